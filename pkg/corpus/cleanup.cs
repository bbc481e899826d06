namespace GeomKernel.CmdsCleanup
{
    class CleanupControl
    {
        private Renderer rd;
        private Curve m_drag_curve;
        public Control glControl;

        public void ZoomOut(object sender, EventArgs e)
        {
            ZoomOut(2, true);
        }

        public void ZoomOut(int factor, bool redraw)
        {
            m_drag_curve = null;
            rd.Render(glControl);
        }
    }
}
